"""Cell complexes of the W-construction on finite presented lattices."""
from .dsl import parse_lattice, print_lattice, read_lattice
from .families import (
    associahedron_faces,
    cube_faces,
    family_quotient_check,
    make_lattice,
    parse_builtin,
    perm_vertex_label,
    permutohedron_faces,
    simplex_faces,
    tonks_collapse,
)
from .homology import homology, smith_normal_form
from .lattice import Arrow, Lattice, LatticeError, MorphismClass, Relation
from .poset import FacePoset
from .triangulation import build_simplicial_hom, compare_models
from .wcomplex import (
    Cell,
    HomComplex,
    PointRep,
    QuotientComplex,
    basis_subcomplex,
    build_hom_complex,
    canonicalize_point,
    cone_alpha,
    cone_beta,
    euler,
    f_vector,
    indecomposable_cubes,
    obstruction_pairs,
    simplified_basis,
    skeleton,
    strict_quotient,
)

__version__ = "0.1.0"
