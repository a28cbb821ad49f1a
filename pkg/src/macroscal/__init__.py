"""Space-form ball volumes, macroscopic scalar curvature and width bounds."""
from ._kernels import BACKEND
from .berger import (BergerSample, WidthBoundQuery, berger_family, berger_sample,
                     gromov_width_lower_bound)
from .dividers import (DividerInstance, ReplacementPlan, SliceProfile, combination_cost,
                       replace_dividers, select_slice_radius, stability_bound,
                       verify_stability_conclusion)
from .errors import ConvergenceError, DomainError, MacroscalError
from .mscal import BallVolumeObservation, WidthGateReport, macroscopic_scal, mscal_at_least, width_gate
from .prolate import (ProlateFamilyRow, ProlateSpec, ellipsoid_area, ellipsoid_ball_bound,
                      product_cover_ball_bound, prolate_family, solve_a)
from .spaceform import (SpaceForm, VolumeTable, ball_volume, ball_volume_quadrature,
                        figure1_table, invert_scal, kappa_n, unit_ball_volume, unit_sphere_volume)

__version__ = "0.1.0"
