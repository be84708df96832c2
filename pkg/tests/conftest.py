"""Test package marker; makes the helpers module importable."""
