"""Chaos-game representations, IFS fractals, and DSSIM/MDS comparison of CGR images."""

from .affine_ifs import (
    AffineMap2D,
    IfsSystem,
    PolarForm,
    affine_apply,
    ifs_iterate,
    parse_ifs_table,
    polar_decompose,
)
from .chaos_game import (
    ChaosGameConfig,
    PolygonSpec,
    QuadrantAddress,
    cell_frequencies,
    cg_suppressed_mask,
    cgr_orbit,
    dividing_rate_almeida,
    dividing_rate_fiser,
    quadrant_decode,
)
from .errors import CgrError, ContractError, InputError
from .fractal_dim import box_counting_dimension
from .mds import MdsEmbedding, classical_mds
from .orbit import Orbit, dump_orbit, load_orbit
from .raster import RasterImage, rasterize, read_image, read_pgm, read_png, write_pgm, write_png
from .similarity import DistanceMatrix, SsimParams, distance_matrix, dssim, ssim_global

__version__ = "0.1.0"
