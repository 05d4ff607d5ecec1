from .generators import gen_activities, gen_random_walk
from .loader import DataEngine, generate, load_csv, write_csv
from .series import Bounds, Series, denormalize, normalize
from .windows import REGION_TEST, REGION_TRAIN, PartitionSpec, WindowedDataset, make_windows

__all__ = [
    "Bounds",
    "DataEngine",
    "PartitionSpec",
    "REGION_TEST",
    "REGION_TRAIN",
    "Series",
    "WindowedDataset",
    "denormalize",
    "gen_activities",
    "gen_random_walk",
    "generate",
    "load_csv",
    "make_windows",
    "normalize",
    "write_csv",
]
