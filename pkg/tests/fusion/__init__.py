from tests.fusion.volume import *
