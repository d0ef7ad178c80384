from libs.validator.validator import *
from libs.validator.validator_chain import *