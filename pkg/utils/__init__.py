from .utils import *
from .errors import *
from .config import read_config, apply_config
