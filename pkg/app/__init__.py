"""
D(S3) Quantum Double Memory
비가환 애니온 큐비트와 오류 억제 실험을 위한 희소 상태 벡터 시뮬레이터
"""
