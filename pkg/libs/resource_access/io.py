import _io
import os
from abc import ABCMeta
from typing import Optional


class RawFileIO(metaclass=ABCMeta):
    """
    텍스트 파일(UTF-8) 위주를 다루는 클래스
    주로 with문과 함께 쓰인다.
    """
    file_root: str
    fd: Optional[_io.TextIOWrapper]

    def __init__(self, file_root: str):
        self.file_root = str(file_root)
        self.fd = None

    def __enter__(self, mode: str):
        self.fd = open(self.file_root, mode=mode, encoding='utf-8', newline='\n')
        return self.fd

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.fd.close()
        self.fd = None


class RawFileRead(RawFileIO):

    def __enter__(self, mode: str = None):
        if not os.path.isfile(self.file_root):
            raise FileNotFoundError(self.file_root)
        return super().__enter__('rt')


class RawFileWrite(RawFileIO):
    """
    쓰기 전용, 상위 디렉토리가 없으면 먼저 만든다.
    """

    def __enter__(self, mode: str = None):
        parent = os.path.dirname(os.path.abspath(self.file_root))
        os.makedirs(parent, exist_ok=True)
        return super().__enter__('wt')
