"""Executable algebra and graph enumeration for boundary-preserving automorphisms of free groups."""
from .words import Rank, Word, parse_word
from .endos import Endomorphism, compose, identity, is_automorphism
from .boundary import BoundaryElement, SigmaBoundaryElement, alpha, central_inclusion

__version__ = "0.1.0"
