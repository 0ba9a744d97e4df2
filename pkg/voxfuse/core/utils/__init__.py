from voxfuse.core.utils.helpers import *
from voxfuse.core.utils.number import *
from voxfuse.core.utils.serializable import Serializable, Deserializable
