from tests.posedconv.kernel import *
from tests.posedconv.conv import *
