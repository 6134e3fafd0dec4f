"""Edge-isoperimetric verification for chamber graphs of hyperplane arrangements."""

from .arrangement import Arrangement, Face, Hyperplane, enumerate_chambers, enumerate_faces, generate
from .chamber_graph import ChamberGraph, ChamberSet, build_graph, edge_boundary
from .kernels import BACKEND
from .strata import FaceLattice, Stratification, stratify

__version__ = "0.1.0"
