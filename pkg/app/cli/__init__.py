"""
命令行界面包
"""
