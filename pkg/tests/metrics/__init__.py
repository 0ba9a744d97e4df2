from tests.metrics.depth import *
from tests.metrics.geometry import *
from tests.metrics.report import *
