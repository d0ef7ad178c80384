import hashlib
import json
import logging
import os
from threading import Lock
from typing import Any, Dict, Iterable, Optional

from libs.resource_access import lock_while_using_file
from utils import settings
from utils.errors import MissingArtifactError
from utils.run_store.io import ManifestRead, ManifestWrite

logger = logging.getLogger(__name__)


def file_sha256(path: str) -> str:
    h = hashlib.sha256()
    with open(path, 'rb') as f:
        for chunk in iter(lambda: f.read(1 << 16), b''):
            h.update(chunk)
    return h.hexdigest()


class RunStore:
    """
    출력 디렉토리 하나의 artifact 와 manifest 를 관리한다.
    """

    """
    같은 디렉토리에는 인스턴스 하나만 만든다.
    manifest 갱신은 한번에 하나씩만 들어가도록 Lock 을 건다.
    """
    __instances: Dict[str, 'RunStore'] = {}
    __instances_lock = Lock()

    root: str
    mutex: Lock

    def __new__(cls, root: str):
        key = os.path.abspath(root)
        with cls.__instances_lock:
            if key not in cls.__instances:
                instance = super(RunStore, cls).__new__(cls)
                instance.root = key
                instance.mutex = Lock()
                cls.__instances[key] = instance
            return cls.__instances[key]

    def path(self, name: str) -> str:
        return os.path.join(self.root, name)

    def exists(self, name: str) -> bool:
        return os.path.isfile(self.path(name))

    def require(self, name: str) -> str:
        """
        :exception MissingArtifactError: 앞 단계 결과물이 없는 경우, 기대한 경로를 알려준다.
        """
        path = self.path(name)
        if not os.path.isfile(path):
            raise MissingArtifactError(path)
        return path

    def __read_manifest(self) -> Dict[str, Any]:
        if not os.path.isfile(self.path(settings.MANIFEST_FILE)):
            return {'seed': None, 'derived_seeds': {}, 'stages': {}, 'artifacts': {}}
        with ManifestRead(self.root) as r:
            return json.load(r)

    def __write_manifest(self, manifest: Dict[str, Any]):
        with ManifestWrite(self.root) as w:
            json.dump(manifest, w, indent=2, sort_keys=True)
            w.write('\n')

    def read_manifest(self) -> Dict[str, Any]:

        @lock_while_using_file(self.mutex)
        def __read():
            return self.__read_manifest()

        return __read()

    def recorded_seed(self) -> Optional[int]:
        return self.read_manifest().get('seed')

    def record_stage(self,
                     stage: str,
                     config: Dict[str, Any],
                     inputs: Iterable[str] = (),
                     outputs: Iterable[str] = (),
                     seed: Optional[int] = None,
                     derived_seeds: Optional[Dict[str, int]] = None):
        """
        stage 하나의 설정과 입출력 artifact 의 sha256 을 manifest 에 남긴다.
        """
        inputs, outputs = list(inputs), list(outputs)

        @lock_while_using_file(self.mutex)
        def __record():
            manifest = self.__read_manifest()
            if seed is not None:
                manifest['seed'] = seed
            manifest.setdefault('derived_seeds', {}).update(derived_seeds or {})
            hashes = {}
            for name in inputs + outputs:
                hashes[name] = file_sha256(self.require(name))
            manifest.setdefault('artifacts', {}).update(hashes)
            manifest.setdefault('stages', {})[stage] = {
                'config': config,
                'inputs': {name: hashes[name] for name in inputs},
                'outputs': {name: hashes[name] for name in outputs},
            }
            self.__write_manifest(manifest)

        __record()
        logger.info("recorded stage %s in %s", stage, self.path(settings.MANIFEST_FILE))
