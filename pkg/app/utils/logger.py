"""
日志配置模块，负责设置全局日志格式和级别
"""

import logging
import sys
from logging.handlers import RotatingFileHandler
import os
from typing import Optional

def setup_logging(log_dir: Optional[str] = "logs", log_level: int = logging.INFO):
    """
    设置日志配置

    标准输出留给命令结果，控制台日志写到标准错误。

    Args:
        log_dir: 日志文件目录，为 None 时不写日志文件
        log_level: 日志级别
    """
    # 设置根日志器
    root_logger = logging.getLogger()
    root_logger.setLevel(log_level)

    # 清除已有的处理器
    for handler in root_logger.handlers[:]:
        root_logger.removeHandler(handler)
        handler.close()

    # 设置日志格式
    log_format = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    # 创建控制台处理器
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(log_format)
    root_logger.addHandler(console_handler)

    if log_dir:
        # 创建日志目录
        if not os.path.exists(log_dir):
            os.makedirs(log_dir)

        # 创建文件处理器
        file_handler = RotatingFileHandler(
            os.path.join(log_dir, "lpm.log"),
            maxBytes=10 * 1024 * 1024,  # 10 MB
            backupCount=5,
            encoding="utf-8"
        )
        file_handler.setLevel(log_level)
        file_handler.setFormatter(log_format)
        root_logger.addHandler(file_handler)

    # 设置第三方库的日志级别
    logging.getLogger("networkx").setLevel(logging.WARNING)

    # 返回根日志器
    return root_logger
