from libs.resource_access.io import *
from libs.resource_access.io_locker import *