"""
Oriented Square Lattice
정사각 격자의 꼭짓점/변/플라켓 인접 관계와 경로 구성

Vertex (row, col) has id row * cols + col; rows grow upward. Horizontal
edges point rightward (+col) and come first in the edge table, vertical
edges point upward (+row) and follow.
"""
from enum import Enum
from functools import cached_property
from typing import Dict, List, Tuple

from pydantic import BaseModel, ConfigDict

from app.utils.errors import LatticeError
from app.utils.logger import logger


class Boundary(str, Enum):
    OPEN = "open"
    PERIODIC = "periodic"


class Attachment(str, Enum):
    """변의 방향이 꼭짓점을 향하면 HEAD, 떠나면 TAIL"""

    HEAD = "head"
    TAIL = "tail"


class Direction(str, Enum):
    WITH = "with"
    AGAINST = "against"

    def flipped(self) -> "Direction":
        return Direction.AGAINST if self is Direction.WITH else Direction.WITH


class Edge(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: int
    tail: int
    head: int


class Path(BaseModel):
    """꼭짓점 start 에서 end 로 가는 변의 순서열"""

    model_config = ConfigDict(frozen=True)

    start: int
    end: int
    steps: Tuple[Tuple[int, Direction], ...]

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def edge_ids(self) -> Tuple[int, ...]:
        return tuple(edge for edge, _ in self.steps)

    def reversed(self) -> "Path":
        return Path(
            start=self.end,
            end=self.start,
            steps=tuple((edge, direction.flipped()) for edge, direction in reversed(self.steps)),
        )


class Lattice(BaseModel):
    """불변 격자 기하 정보"""

    model_config = ConfigDict(frozen=True)

    rows: int
    cols: int
    boundary: Boundary = Boundary.OPEN
    edges: Tuple[Edge, ...]

    @property
    def num_vertices(self) -> int:
        return self.rows * self.cols

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_plaquettes(self) -> int:
        if self.boundary is Boundary.PERIODIC:
            return self.rows * self.cols
        return (self.rows - 1) * (self.cols - 1)

    @property
    def num_horizontal(self) -> int:
        per_row = self.cols if self.boundary is Boundary.PERIODIC else self.cols - 1
        return self.rows * per_row

    def vertex_id(self, row: int, col: int) -> int:
        if not (0 <= row < self.rows and 0 <= col < self.cols):
            raise LatticeError(f"Vertex ({row}, {col}) outside {self.rows}x{self.cols} lattice")
        return row * self.cols + col

    def coords(self, v: int) -> Tuple[int, int]:
        self.check_vertex(v)
        return divmod(v, self.cols)

    def horizontal_edge(self, row: int, col: int) -> int:
        """(row, col) -> (row, col+1) 변 인덱스"""
        per_row = self.num_horizontal // self.rows
        if not (0 <= row < self.rows and 0 <= col < per_row):
            raise LatticeError(f"No horizontal edge at ({row}, {col})")
        return row * per_row + col

    def vertical_edge(self, row: int, col: int) -> int:
        """(row, col) -> (row+1, col) 변 인덱스"""
        rows_with_edges = self.rows if self.boundary is Boundary.PERIODIC else self.rows - 1
        if not (0 <= row < rows_with_edges and 0 <= col < self.cols):
            raise LatticeError(f"No vertical edge at ({row}, {col})")
        return self.num_horizontal + row * self.cols + col

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.num_vertices:
            raise LatticeError(f"Vertex id {v} out of range [0, {self.num_vertices})")

    def check_edge(self, e: int) -> None:
        if not 0 <= e < self.num_edges:
            raise LatticeError(f"Edge id {e} out of range [0, {self.num_edges})")

    def check_plaquette(self, p: int) -> None:
        if not 0 <= p < self.num_plaquettes:
            raise LatticeError(f"Plaquette id {p} out of range [0, {self.num_plaquettes})")

    @cached_property
    def _incidence(self) -> Dict[int, List[Tuple[int, Attachment]]]:
        table: Dict[int, List[Tuple[int, Attachment]]] = {v: [] for v in range(self.num_vertices)}
        for edge in self.edges:
            table[edge.tail].append((edge.id, Attachment.TAIL))
            table[edge.head].append((edge.id, Attachment.HEAD))
        return table

    def degree(self, v: int) -> int:
        return len(incident_edges(self, v))

    def distance(self, v1: int, v2: int) -> int:
        r1, c1 = self.coords(v1)
        r2, c2 = self.coords(v2)
        return abs(r1 - r2) + abs(c1 - c2)

    def edge_vertices(self, e: int) -> Tuple[int, int]:
        self.check_edge(e)
        edge = self.edges[e]
        return edge.tail, edge.head


def build_grid(rows: int, cols: int, boundary: Boundary = Boundary.OPEN) -> Lattice:
    """정준 방향(오른쪽/위쪽)을 가진 격자 생성"""
    if rows < 2 or cols < 2:
        raise LatticeError(f"Lattice dimensions must be >= 2, got {rows}x{cols}")
    boundary = Boundary(boundary)
    periodic = boundary is Boundary.PERIODIC

    edges: List[Edge] = []
    per_row = cols if periodic else cols - 1
    for r in range(rows):
        for c in range(per_row):
            edges.append(Edge(id=len(edges), tail=r * cols + c, head=r * cols + (c + 1) % cols))
    vertical_rows = rows if periodic else rows - 1
    for r in range(vertical_rows):
        for c in range(cols):
            edges.append(Edge(id=len(edges), tail=r * cols + c, head=((r + 1) % rows) * cols + c))

    lattice = Lattice(rows=rows, cols=cols, boundary=boundary, edges=tuple(edges))
    logger.debug(
        f"Built {rows}x{cols} {boundary.value} lattice: "
        f"{lattice.num_vertices} vertices, {lattice.num_edges} edges, {lattice.num_plaquettes} plaquettes"
    )
    return lattice


def incident_edges(lat: Lattice, v: int) -> List[Tuple[int, Attachment]]:
    lat.check_vertex(v)
    return list(lat._incidence[v])


def path_between(lat: Lattice, v1: int, v2: int) -> Path:
    """열 방향 먼저, 그 다음 행 방향으로 가는 L자 경로"""
    lat.check_vertex(v1)
    lat.check_vertex(v2)
    if v1 == v2:
        raise LatticeError("path_between needs two distinct vertices")
    r1, c1 = lat.coords(v1)
    r2, c2 = lat.coords(v2)

    steps: List[Tuple[int, Direction]] = []
    c = c1
    while c != c2:
        if c2 > c:
            steps.append((lat.horizontal_edge(r1, c), Direction.WITH))
            c += 1
        else:
            steps.append((lat.horizontal_edge(r1, c - 1), Direction.AGAINST))
            c -= 1
    r = r1
    while r != r2:
        if r2 > r:
            steps.append((lat.vertical_edge(r, c2), Direction.WITH))
            r += 1
        else:
            steps.append((lat.vertical_edge(r - 1, c2), Direction.AGAINST))
            r -= 1
    return Path(start=v1, end=v2, steps=tuple(steps))


def plaquette_edges(lat: Lattice, p: int) -> List[Tuple[int, Direction]]:
    """왼쪽 아래 꼭짓점에서 시작하는 반시계 방향 경계: 아래, 오른쪽, 위, 왼쪽"""
    lat.check_plaquette(p)
    per_row = lat.cols if lat.boundary is Boundary.PERIODIC else lat.cols - 1
    r, c = divmod(p, per_row)
    right = (c + 1) % lat.cols
    top = (r + 1) % lat.rows
    return [
        (lat.horizontal_edge(r, c), Direction.WITH),
        (lat.vertical_edge(r, right), Direction.WITH),
        (lat.horizontal_edge(top, c), Direction.AGAINST),
        (lat.vertical_edge(r, c), Direction.AGAINST),
    ]
