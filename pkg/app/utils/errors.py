"""
시뮬레이터 예외 정의
"""


class SimulationError(ValueError):
    """모든 시뮬레이션 오류의 기본 클래스"""


class LatticeError(SimulationError):
    """격자 차원, 인덱스 범위, 경로 오류"""


class StateError(SimulationError):
    """상태 벡터 폭/격자 불일치, 영벡터, 정규화 오류"""


class SizeBudgetError(SimulationError):
    """격자가 3-bit 키 패킹 예산을 넘을 때"""


class MeasurementError(SimulationError):
    """사영 연산자 집합이 완전하지 않거나 모든 확률이 0일 때"""


class EncodingError(SimulationError):
    """논리 큐비트 인코딩/게이트 전제 조건 위반"""


class CorruptionError(EncodingError):
    """논리 Z 판독 중 Φ 융합 결과가 나온 경우"""

    def __init__(self, message: str, probability: float = 0.0):
        super().__init__(message)
        self.probability = probability
