"""Exact-arithmetic tools for disjoint faces in complete simple topological graphs."""
from .constructions import build, build_cm, build_dn, build_tm, random_straight_line
from .drawing import (
    CrossingPattern,
    Drawing,
    PlaneSubgraph,
    crossing_pattern,
    is_plane,
    validate_simple,
    weak_isomorphism_check,
)
from .extremal import (
    CellCollection,
    Certificate,
    FourCell,
    augment_to_spanning_biconnected,
    disjoint_4faces,
    disjoint_kfaces_convex,
    disjoint_kfaces_twisted,
    find_4face_in_face,
    find_convex_or_twisted_subset,
    frv_noncrossing_edges,
    triangle_mutation,
)
from .faces import (
    FaceRegion,
    PlaneCycle,
    arrangement_faces,
    enumerate_plane_cycles,
    face_area,
    face_of_cycle,
    faces_disjoint,
    interior_vertex_count,
)
from .geometry import Point, Polygon, Polyline, interiors_disjoint, point_in_polygon, polygon_area
from .interchange import dumps_drawing, loads_drawing

__version__ = "0.1.0"
