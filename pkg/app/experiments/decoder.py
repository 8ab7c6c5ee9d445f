"""
Syndrome Decoder
가시 Λ 전하를 최소 가중치 매칭으로 짝지어 W_Λ 사슬로 소멸
"""
from typing import List, Sequence, Tuple

import networkx as nx

from app.lattice.grid import Lattice, Path, path_between
from app.model.anyons import w_lambda_chain
from app.model.quantum_double import ChargeType, Syndrome
from app.state.state_vector import StateVector
from app.utils.errors import SimulationError
from app.utils.logger import logger

Match = Tuple[int, int]


def nearest_anchor(lat: Lattice, v: int, anchors: Sequence[int]) -> int:
    return min(anchors, key=lambda a: (lat.distance(v, a), a))


def match_defects(lat: Lattice, defects: Sequence[int], anchors: Sequence[int] = ()) -> List[Match]:
    """Λ 결함 쌍 또는 (결함, 앵커) 쌍 목록

    Every defect gets a private copy of its nearest anchor; copies are joined
    to each other at zero cost so unused ones pair off among themselves.
    """
    defects = sorted(defects)
    if not defects:
        return []
    graph = nx.Graph()
    for i, u in enumerate(defects):
        for v in defects[i + 1 :]:
            graph.add_edge(("defect", u), ("defect", v), weight=lat.distance(u, v))
    if anchors:
        copies = {u: ("anchor", u, nearest_anchor(lat, u, anchors)) for u in defects}
        for u, copy in copies.items():
            graph.add_edge(("defect", u), copy, weight=lat.distance(u, copy[2]))
        for i, u in enumerate(defects):
            for v in defects[i + 1 :]:
                graph.add_edge(copies[u], copies[v], weight=0)
    elif len(defects) % 2:
        raise SimulationError(f"Cannot pair an odd number of defects {defects} without anchors")
    matching = nx.min_weight_matching(graph)
    matches: List[Match] = []
    for a, b in matching:
        if a[0] == "anchor" and b[0] == "anchor":
            continue
        if a[0] == "anchor":
            a, b = b, a
        if b[0] == "defect":
            matches.append((min(a[1], b[1]), max(a[1], b[1])))
        else:
            matches.append((a[1], b[2]))
    matches.sort()
    return matches


def correction_paths(lat: Lattice, matches: Sequence[Match]) -> List[Path]:
    return [path_between(lat, u, v) for u, v in matches]


def decode(s: StateVector, syndrome: Syndrome, anchors: Sequence[int] = ()) -> Tuple[StateVector, List[Path]]:
    """가시 Λ 꼭짓점을 짝지어 교정 사슬을 적용한 상태와 교정 경로"""
    lat = s.lattice
    defects = syndrome.charged(ChargeType.LAMBDA)
    paths = correction_paths(lat, match_defects(lat, defects, anchors))
    for path in paths:
        s = w_lambda_chain(s, path)
    if paths:
        logger.debug(f"Decoder paired Λ defects {defects} with {len(paths)} correction chain(s)")
    return s, paths
