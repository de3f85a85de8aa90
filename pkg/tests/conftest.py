"""Shared pipeline fixtures; each (graph, vertex) pipeline is built once per session."""

from __future__ import annotations

import functools
from types import SimpleNamespace

import pytest

from drgalg.bose_mesner import build_bose_mesner, canonical
from drgalg.dual import build_dual
from drgalg.graphs import build_graph, certify_distance_regular
from drgalg.terwilliger import terwilliger_algebra
from drgalg.tmodules import commutant, decompose_standard_module

TEST_GRAPHS = ["hamming:3,3", "hamming:3,4", "johnson:6,3", "johnson:7,3", "grassmann:2,4,2", "cycle:8"]
SMALL_GRAPHS = ["hamming:3,3", "johnson:6,3", "cycle:8"]


@functools.lru_cache(maxsize=None)
def algebra(spec: str):
    g = build_graph(spec)
    data = certify_distance_regular(g)
    bm = canonical(build_bose_mesner(g, data))
    return SimpleNamespace(spec=spec, g=g, data=data, bm=bm)


@functools.lru_cache(maxsize=None)
def local(spec: str, x: int = 0):
    base = algebra(spec)
    dual = build_dual(base.g, base.bm, x)
    t = terwilliger_algebra(base.g, base.bm, dual)
    return SimpleNamespace(**vars(base), x=x, dual=dual, t=t)


@functools.lru_cache(maxsize=None)
def modules(spec: str, x: int = 0, seed: int = 0):
    loc = local(spec, x)
    comm = _commutant(spec, x)
    dec = decompose_standard_module(loc.t, loc.dual, loc.bm, comm, seed=seed)
    return SimpleNamespace(**vars(loc), comm=comm, dec=dec)


@functools.lru_cache(maxsize=None)
def _commutant(spec: str, x: int):
    return commutant(local(spec, x).t)


@pytest.fixture(params=TEST_GRAPHS)
def spec(request):
    return request.param


@pytest.fixture(params=SMALL_GRAPHS)
def small_spec(request):
    return request.param
