from tests.synthetic.scene import *
from tests.synthetic.trajectory import *
