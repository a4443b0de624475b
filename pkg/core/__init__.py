"""
Ядро лаборатории: пространства, операторы T, заряды, интеграл, двойственность
"""
