from tests.core.projection import *
from tests.core.homography import *
from tests.core.pose import *
from tests.core.formats import *
from tests.core.settings import *
