'''Error types shared across the toolkit.

Every error that carries a witness stores it on the exception so callers
(and the service layer) can surface it without parsing messages.
'''

from __future__ import annotations


class LatkitError(Exception):
    'Base class for all toolkit errors.'

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotALattice(LatkitError):
    'A poset is missing a least upper or greatest lower bound for some pair.'


class CyclicCovers(LatkitError):
    'A cover list contains a directed cycle.'


class UnknownFamily(LatkitError):
    'Requested named family does not exist.'


class SizeLimitExceeded(LatkitError):
    'A construction would exceed the configured size guard.'


class MixedPreconditionViolated(LatkitError):
    'Mixed tensor arguments must satisfy a0 <= a1 and b0 >= b1.'


class NotACongruence(LatkitError):
    'A partition is not compatible with join and meet.'


class NotAnEmbedding(LatkitError):
    'A map fails injectivity or does not preserve join/meet.'


class NotSimple(LatkitError):
    'A lattice required to be simple has a proper nontrivial congruence.'


class NotDistributive(LatkitError):
    'A lattice required to be distributive has a failing triple.'


class EmptyResult(LatkitError):
    'A construction is empty under the declared bound flags.'


class MalformedTerm(LatkitError):
    'A lattice term string failed to parse.'


class MalformedInput(LatkitError):
    'A JSON document does not match the expected schema.'
