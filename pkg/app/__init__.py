"""
格路拟阵 Tutte 多项式计算与验证包
"""
