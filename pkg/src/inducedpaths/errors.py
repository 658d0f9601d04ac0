"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class InducedPathError(Exception):
    """Base class for all errors raised by :mod:`inducedpaths`."""


class InputError(InducedPathError, ValueError):
    """Malformed input: out-of-range vertex ids, bad parameters, parse failures."""


class ParameterError(InputError):
    """Construction or extractor parameters outside their documented domain."""


class NoPathError(InducedPathError):
    """Two vertices lie in different connected components."""


class WitnessError(InputError):
    """A Hamiltonian-path witness does not verify against its graph."""


class ValidationError(InputError):
    """A representation fails one of its defining conditions.

    ``witness`` carries the offending object (a vertex, an edge, a host node)
    so callers can report exactly what broke.
    """

    def __init__(self, message: str, witness: object = None):
        super().__init__(message)
        self.witness = witness


class ClassError(InducedPathError):
    """A graph handed to a base extractor falls outside the extractor's class."""


class UnsupportedError(InducedPathError):
    """A torso kind was requested for which no extractor is available."""


class InternalInvariantError(InducedPathError, AssertionError):
    """A re-verified internal invariant failed; indicates a bug or corrupt input."""


class OracleCapError(InducedPathError):
    """An exact oracle refused an instance larger than its configured cap."""
