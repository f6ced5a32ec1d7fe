# Unit tests for fraclab
