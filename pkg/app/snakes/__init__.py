"""
蛇形与多扇图包
"""
