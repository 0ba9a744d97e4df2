from tests.mvs.sweep import *
from tests.mvs.losses import *
from tests.mvs.gateway import *
