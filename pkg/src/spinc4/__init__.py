"""Quaternionic spin^c(4) geometry and complex points of immersed surfaces.

The package implements, over the concrete model S+ = S- = C^2 identified with
the quaternions:

* the diffeomorphism Psi between P(S+) x P(S-) and the Grassmannian of
  oriented 2-planes in the homothety space V, with its eigenvalue inverse;
* Higgs-field spinor splittings and the Q / Qbar classification of tangent
  planes, including the standard Higgs fields on the 4-sphere;
* the projection CP^2 -> S^4 and rational-curve parametrizations;
* detection, indexing and counting of complex points of immersed surfaces,
  totally-real and pseudoholomorphic verdicts, and oriented Maslov windings.
"""

from .quaternion import (ONE, I, J, K, Quaternion, left_mult_matrix, quat_conj,
                         quat_inv, quat_mul, quat_norm)
from .spin import (AdaptedBases, DegenerateSpinorError, Spinor, adapt_bases,
                   clifford_mul, det_v, herm, wedge)
from .grassmann import (MembershipVerdict, OrientedPlane, PlaneTangent,
                        ProjectiveLine, grassmann_acs, membership,
                        plane_complement, plane_distance, projective_distance,
                        psi, psi_inverse, psi_tangent)
from .projective import (CP2Point, QuatLine, RationalCurve, S4Point,
                         dphi_linearity_check, h_transversality_check,
                         iml_rank_check, inversion_phi, plucker_genus, pr)
from .higgs import (PlaneClassification, PlaneKind, SpinorSplit,
                    StandardHiggsField, classify_plane, local_representatives,
                    split_at, wedge_identity_residual)
from .immersion import (AnalysisOptions, AnalysisReport, ComplexPointRecord,
                        ImmersionSpec, analyze, gauss_map, index_of_zero,
                        maslov_windings, scan_complex_points,
                        totally_real_bundle_check)

__version__ = "0.1.0"
