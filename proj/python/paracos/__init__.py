"""Exact analysis of almost alpha-paracosymplectic structures.

``source`` arguments accept definition text, a catalog entry name or a path.
"""

import json

from . import _paracos
from ._paracos import DefinitionError, Error, ParameterError, ParseError

__all__ = [
    "Error", "ParseError", "ParameterError", "DefinitionError",
    "verify", "analyze", "deform", "catalog", "catalog_source", "simplify",
]


def verify(source):
    return json.loads(_paracos.verify(source))


def analyze(source, point=None):
    if point is not None:
        point = [str(p) for p in point]
    return json.loads(_paracos.analyze(source, point))


def deform(source, gamma=1, beta=1, conformal_u=None):
    if conformal_u is not None:
        return json.loads(_paracos.deform(source, conformal_u=str(conformal_u)))
    return json.loads(_paracos.deform(source, gamma=str(gamma), beta=str(beta)))


def catalog():
    return json.loads(_paracos.catalog())


def catalog_source(name):
    return _paracos.catalog_source(name)


def simplify(expr, coords):
    return _paracos.simplify(expr, list(coords))
