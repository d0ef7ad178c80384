import hashlib
import secrets


def derive_seed(seed: int, stage: str) -> int:
    """
    하나의 --seed 에서 stage 이름별로 독립적인 seed 를 뽑는다.
    sha256("{seed}:{stage}") 의 앞 4 byte (big endian)
    """
    digest = hashlib.sha256(f"{seed}:{stage}".encode('utf-8')).digest()
    return int.from_bytes(digest[:4], 'big')


def fresh_seed() -> int:
    return secrets.randbits(32)
