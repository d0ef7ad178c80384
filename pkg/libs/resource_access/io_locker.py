import functools
from threading import Lock, RLock
from typing import Union


def lock_while_using_file(locker: Union[Lock, RLock]):
    """
    파일 접근을 하나의 인스턴스(또는 쓰레드)만 접근할 수 있게 제한하는 데코레이터 함수
    동일한 Lock Instance가 있어야 효과를 볼 수 있다.
    같은 쓰레드에서 중첩 호출이 필요하면 RLock을 넘긴다.
    """
    def __lock_while_using_file(func):
        @functools.wraps(func)
        def __wrapper(*args, **kwargs):
            # 에러가 발생해도 Lock은 반드시 풀려야 다음 쓰레드가 접근할 수 있다.
            with locker:
                return func(*args, **kwargs)

        return __wrapper

    return __lock_while_using_file
