"""
Pytest configuration for the fraclab test suite.
"""

import pytest


def pytest_addoption(parser):
    """Add command-line options to pytest."""
    parser.addoption(
        "--run-integration-tests",
        action="store_true",
        default=False,
        help="Run acceptance-scale studies and full CLI runs"
    )


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line(
        "markers",
        "integration: acceptance-scale studies and full CLI runs"
    )


def pytest_collection_modifyitems(config, items):
    """Skip integration tests unless --run-integration-tests is passed."""
    if config.getoption("--run-integration-tests"):
        return
    skip_integration = pytest.mark.skip(
        reason="Need --run-integration-tests option to run acceptance-scale studies"
    )
    for item in items:
        if "integration" in item.keywords:
            item.add_marker(skip_integration)
