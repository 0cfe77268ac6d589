"""
配置模块，负责加载环境变量和提供全局配置
"""

import os
import logging
from dotenv import load_dotenv
from typing import Any, Dict, Optional

# 加载环境变量
load_dotenv()

class Config:
    """配置类，计算相关的默认值为常量，环境变量只影响日志"""

    # 有效的日志级别
    VALID_LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

    # 默认日志级别
    DEFAULT_LOG_LEVEL = "INFO"

    # 暴力子集求和的元素上限（约 10^6 个子集）
    BRUTE_FORCE_CAP = 20

    # 图上删除/收缩递归的边数上限
    GRAPH_TUTTE_CAP = 16

    # 定向枚举上限（以 2 为底的对数）
    ORIENTATION_CAP = 20

    # 穷举验证默认规模
    SWEEP_N_MAX = 10
    SWEEP_WORKERS = 1

    # JSON 报告版本
    JSON_SCHEMA_VERSION = 1

    # 日志配置
    LOG_DIR = os.getenv("LPM_LOG_DIR", "logs")

    # 获取日志级别并验证
    _log_level = os.getenv("LPM_LOG_LEVEL", DEFAULT_LOG_LEVEL).upper()
    # 如果日志级别无效，使用默认级别
    if _log_level not in VALID_LOG_LEVELS:
        print(f"警告: 日志级别 '{_log_level}' 无效，使用默认值 {DEFAULT_LOG_LEVEL}")
        _log_level = DEFAULT_LOG_LEVEL
    LOG_LEVEL = _log_level

    @classmethod
    def validate_config(cls):
        """验证配置是否有效"""
        for name in ("BRUTE_FORCE_CAP", "GRAPH_TUTTE_CAP", "ORIENTATION_CAP", "SWEEP_N_MAX", "SWEEP_WORKERS"):
            value = getattr(cls, name)
            if not isinstance(value, int) or value <= 0:
                raise ValueError(f"配置项 {name} 必须是正整数，当前值: {value}")

    @classmethod
    def log_level_value(cls, name: Optional[str] = None) -> int:
        """将日志级别名称转换为 logging 常量，名称无效时取 INFO"""
        level = (name or cls.LOG_LEVEL).upper()
        if level not in cls.VALID_LOG_LEVELS:
            return logging.INFO
        return getattr(logging, level)

    @classmethod
    def get_caps(cls) -> Dict[str, Any]:
        """获取当前生效的各类上限"""
        return {
            "brute_force_cap": cls.BRUTE_FORCE_CAP,
            "graph_tutte_cap": cls.GRAPH_TUTTE_CAP,
            "orientation_cap": cls.ORIENTATION_CAP,
        }
