import os

from libs.resource_access import RawFileRead, RawFileWrite
from utils import settings


class ManifestRead(RawFileRead):

    def __init__(self, root: str):
        super().__init__(os.path.join(root, settings.MANIFEST_FILE))


class ManifestWrite(RawFileWrite):

    def __init__(self, root: str):
        super().__init__(os.path.join(root, settings.MANIFEST_FILE))
