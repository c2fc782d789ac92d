"""Hand-shape feature extraction and KNN gesture classification.

The pipeline: decode an RGB frame, convert to YCbCr, mask skin pixels,
trace the region contours, summarise the largest region as a 10-integer
feature vector (centroid plus four extreme points), persist vectors as CSV,
and classify them with a from-scratch K-nearest-neighbours model evaluated
by k-fold cross-validation.
"""

from .annotate import annotate_frame
from .dataset import (
    CSV_HEADER,
    CsvFormatError,
    EmptyTableError,
    FeatureTable,
    FoldAssignment,
    InvalidFoldsError,
    NormalizationParams,
    apply_normalization,
    fit_normalization,
    kfold_split,
    read_csv,
    write_csv,
)
from .features import (
    Centroid,
    EmptyRegionError,
    ExtremePoints,
    FeatureVector,
    Moments,
    ZeroMassError,
    build_feature_vector,
    centroid,
    centroid_contour_distance,
    compute_moments,
    extreme_points,
    radial_profile,
)
from .frames import FrameDecodeError, read_frame, write_frame, write_png, write_ppm
from .imaging import (
    DEFAULT_SKIN_RANGE,
    BinaryMask,
    Contour,
    NoContoursError,
    PixelBuffer,
    SkinRange,
    YCbCrBuffer,
    contour_area,
    contour_perimeter,
    convex_hull,
    largest_contour,
    rgb_to_ycbcr,
    skin_mask,
    trace_contours,
)
from .knn import (
    CvReport,
    InsufficientRowsError,
    KnnModel,
    PredictionResult,
    accuracy,
    cross_validate,
    euclidean_distance,
)
from .pipeline import (
    ExtractionStats,
    FrameShape,
    analyze_frame,
    annotate_directory,
    extract_directory,
    list_frame_files,
)

__version__ = "0.1.0"
