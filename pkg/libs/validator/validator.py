from abc import ABCMeta, abstractmethod
from typing import Callable, Optional, Tuple


class Validator(metaclass=ABCMeta):
    """
    자체 Validator Interface
    name은 실패했을 때 어떤 규칙이 깨졌는지 알려주는 데 쓰인다.
    """
    name: str

    @abstractmethod
    def __call__(self, *args, **kwargs) \
            -> Tuple[bool, Optional[Exception]]:
        """
        Call 함수를 사용해서 data 유효성을 판별한다.

        :return True if data is valid
        :return False if data is not valid and return Error Exception
        """
        pass


class AutomaticValidator(Validator):
    """
    Validator를 직접 상속받지 않고 Validator Logic 함수만 넘겨서 만드는 Validator.
    Logic 함수는 bool을 리턴하거나 Exception을 raise 한다.
    """

    validate_logic: Callable

    def __init__(self, validate_logic: Callable, name: Optional[str] = None):
        if not callable(validate_logic):
            raise TypeError("logic must be Callable Function")
        self.validate_logic = validate_logic
        self.name = name or getattr(validate_logic, '__name__', 'validator')

    def __call__(self, *args, **kwargs) \
            -> Tuple[bool, Optional[Exception]]:
        """
        :param *args or **kwargs: validate데이터

        :return: (True, None) if data is valid, then Exception is None
        :return: (False, Exception) if data is not valid, then Exception is returned
        """
        try:
            is_valid = self.validate_logic(*args, **kwargs)
        except Exception as e:
            # Validate에서 Exception이 호출되면 False 처리
            return False, e

        if isinstance(is_valid, bool) and not is_valid:
            return False, ValueError(f"{self.name}: validate failed")
        return True, None
