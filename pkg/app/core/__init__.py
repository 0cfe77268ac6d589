"""
核心功能包：格路、LPM 图、子式拟阵与 Tutte 多项式
"""
