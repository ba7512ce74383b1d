"""digifix: fixed point spectra, homotopy, and rigidity of digital images.

A digital image is a finite set of lattice points (or abstract vertices)
with a symmetric irreflexive adjacency; a self-map is digitally continuous
when adjacent points land on adjacent-or-equal points.  The package
enumerates continuous self-maps with pruned backtracking and computes the
fixed point spectrum F(X), homotopy fixed point spectra S(f), pull indices,
rigidity, and lasso rigidity certificates.
"""

from .errors import (BudgetExceededError, DigifixError,
                     FixedPointPropertyError, ImageFormatError,
                     PropertyViolationError)
from .generators import (box, cube, cycle, fig_sexample, fig_xexample,
                         generate, interval, wedge_cycles_8)
from .geometry import (FixStructure, GeodesicInfo, PathWitness,
                       articulation_forces_fixed, articulation_points,
                       fix_structure, forced_fixed_points, minimal_paths)
from .homotopy import (HomotopyClass, HomotopyPath, homotopic,
                       homotopy_class, homotopy_classes, is_rigid_image,
                       is_rigid_map, one_step_homotopic, verify_homotopy_path)
from .image import (CuAdjacency, DigitalImage, ExplicitAdjacency, Point,
                    ProductAdjacency, are_isomorphic, build_image,
                    closed_neighborhood, connected_components, cu_adjacent,
                    disjoint_union, explicit, induced_subimage, is_connected,
                    is_cycle_image, open_neighborhood, product, wedge)
from .io import (load_image, load_map, map_from_dict, map_to_dict,
                 image_from_dict, image_to_dict, save_image, save_map)
from .lasso import (CertificateResult, Lasso, find_lasso,
                    lasso_rigidity_certificate, right_angle, verify_lasso)
from .retracts import (RetractionWitness, find_retraction,
                       is_deformation_retraction, retract_subimage)
from .selfmap import (SelfMap, box_fold_map, compose, constant_map,
                      cycle_map, fixed_point_free_map, identity_map,
                      point_transform_map, rotation_180, vertical_reflection)
from .spectrum import (EnumerationStats, Spectrum, combine_spectra,
                       count_continuous_selfmaps,
                       enumerate_continuous_selfmaps, fixed_point_spectrum,
                       nminus1_criterion, pull_index)

__version__ = "0.1.0"
