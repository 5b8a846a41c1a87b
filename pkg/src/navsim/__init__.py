"""navsim - ship maneuvering simulation and deep Q-learning for path following with collision avoidance."""

__version__ = "0.3.0"
__author__ = "navsim contributors"

__all__ = ['__version__']
