from typing import Any, List, Callable, Tuple, Optional
from libs.validator.validator import AutomaticValidator


class ValidatorChain:
    """
    여러개의 Validator를 한번에 처리하는 클래스
    """

    """
    Validators
    요소는 Tuple type으로 저장되는데 첫번 째는 Validator, 두번째는 전처리 함수가 된다.
    전처리 함수는 검수 대상의 데이터를 Validator가 원하는 인자 Tuple로 가공한다.
    """
    validators: List[Tuple[AutomaticValidator, Optional[Callable]]]

    def __init__(self):
        self.validators = []

    def add_validator(self,
                      validator: AutomaticValidator,
                      pre_processor: Optional[Callable] = None) \
            -> 'ValidatorChain':
        """
        Validator/전처리 함수 추가, 전처리 함수를 사용하지 않으면 None으로 비워도 된다.
        :param validator:       Validate Class
        :param pre_processor:   pre-processor function, None if not used function
        """
        self.validators.append((validator, pre_processor))
        return self

    def __call__(self, data: Any) \
            -> Tuple[bool, Optional[Exception]]:
        """
        Validator를 한번에 작동시킨다. 첫 실패에서 멈춘다.
        :param data: 검수 대상 데이터
        :return: (success, 실패시 Exception)
        """
        ok, _, err = self.first_failure(data)
        return ok, err

    def first_failure(self, data: Any) \
            -> Tuple[bool, Optional[str], Optional[Exception]]:
        """
        실패한 Validator의 이름까지 같이 돌려준다.
        :return: (success, 실패한 validator 이름, 실패시 Exception)
        """
        for validator, pre_processor in self.validators:
            pre_processed_data = \
                [data] if not pre_processor else pre_processor(data)
            try:
                is_valid, err = validator(*pre_processed_data)
            except Exception as e:
                is_valid, err = False, e

            if not is_valid:
                return False, validator.name, err
        return True, None, None
