"""Classical-shadow PCA toolkit for locating and classifying quantum phase transitions."""

__version__ = "0.1.0"
