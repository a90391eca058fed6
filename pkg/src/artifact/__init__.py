"""Train-track pairs for curve intersection numbers and the mapping class group word problem."""

__version__ = "0.1.0"
