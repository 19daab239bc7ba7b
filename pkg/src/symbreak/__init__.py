"""symbreak: list colourings that break the small automorphisms of finite graphs."""

__version__ = "0.1.0"
