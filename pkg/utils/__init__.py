from utils.errors import NumericalError, PhiSurfaceError, ValidationError
from utils.io import write_atomic
