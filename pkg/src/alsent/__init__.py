"""Active-learning workbench for small recurrent Arabic sentiment classifiers."""

__version__ = "0.1.0"
