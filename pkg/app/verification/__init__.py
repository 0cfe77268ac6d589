"""
穷举验证包
"""
