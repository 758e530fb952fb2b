"""Clausal logic and answer-set reasoning over finite domains, with a
formal concept analysis front end."""

from .errors import BoundExceeded, DomainError, ParseError, ProgramError, RZError
from .poset import BOTTOM_NAME, Domain, build_domain

__all__ = ["BOTTOM_NAME", "BoundExceeded", "Domain", "DomainError", "ParseError",
           "ProgramError", "RZError", "build_domain"]
__version__ = "0.1.0"
