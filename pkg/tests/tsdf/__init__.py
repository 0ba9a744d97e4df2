from tests.tsdf.integrate import *
from tests.tsdf.losses import *
from tests.tsdf.mesh import *
from tests.tsdf.render import *
from tests.tsdf.sphere import *
