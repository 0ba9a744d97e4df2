from tests.pipeline.dataset import *
from tests.pipeline.stages import *
from tests.pipeline.interface import *
from tests.pipeline.commands import *
from tests.pipeline.room import *
