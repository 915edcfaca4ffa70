"""Isovariant homotopy computations on finite G-simplicial complexes."""
from .complexes import (GSimplicialComplex, GSimplicialMap, SimplicialComplex,
                        barycentric_subdivision, boundary_linking_simplex, combine, cone,
                        fixed_subcomplex, is_isovariant, join, linking_simplex, make_g_complex,
                        make_rigid, orbit_space, rep_compactification, rep_disk, rep_sphere,
                        suspension)
from .conncalc import (ConnFn, bm_cube, bm_pushout, freudenthal_suite, measure_conn_fn,
                       space_conn_fn)
from .groups import (ChainClass, FiniteGroup, Subgroup, SubgroupChain, chain_class, cyclic,
                     dihedral, enumerate_chains, enumerate_subgroups, make_group, symmetric)
from .homology import (Connectivity, HomologyResult, SimplicialMap, connectivity_of,
                       homology_of, map_connectivity, pushout_cone_check, smith_normal_form)
from .scene import Scene, parse_scene
from .strata import (EQUIVARIANT, ISOVARIANT, LinkComplex, chain_link_model, induced_link_map,
                     link_model, link_suspension, stratum_model)
from .universe import (RationalVector, gamma_path, isotropy_of_vector, lifting_extension,
                       universe_check)

__version__ = "0.1.0"
