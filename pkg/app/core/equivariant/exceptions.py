"""
등변 엔진 예외 정의

라이브러리 코드는 예외를 던지고, 검증(check) 계열 함수는 예외 대신
CheckReport에 실패를 기록합니다.
"""


class EquivariantError(ValueError):
    """엔진 공통 예외"""


class DimensionMismatchError(EquivariantError):
    """행렬/객체 차원이 맞지 않음"""


class SingularMatrixError(EquivariantError):
    """역행렬이 존재하지 않음"""


class ContainmentError(EquivariantError):
    """부분군 포함 관계 위반 (K ≤ H 가 아님)"""


class RepresentativeError(EquivariantError):
    """잉여류 대표원 집합이 올바르지 않음"""


class EquivarianceError(EquivariantError):
    """등변 구조 조건(cocycle / 가환 조건) 위반"""


class SplittingError(EquivariantError):
    """반단순 분해 실패 (p | |G| 같은 설정 오류를 의미)"""


class DecompositionError(EquivariantError):
    """K0 분해 결과가 정수가 아님 (분해 로직 버그)"""


class SpecError(EquivariantError):
    """세션 스펙(JSON) 입력 오류"""


class UnknownDiagramError(EquivariantError):
    """알 수 없는 coherence 다이어그램 ID"""


class UnsupportedAlgebraError(EquivariantError):
    """비교 대상이 아닌 대수 형태"""
