"""
结构化错误定义，所有领域错误都带有 {code, position, message}
"""

from typing import Any, Dict, Optional


class LpmError(ValueError):
    """领域错误基类"""

    code = "lpm_error"

    def __init__(self, message: str, position: Optional[int] = None, code: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.position = position
        if code is not None:
            self.code = code

    def to_dict(self) -> Dict[str, Any]:
        """转换为结构化错误记录"""
        return {"code": self.code, "position": self.position, "message": self.message}

    def __str__(self) -> str:
        if self.position is None:
            return self.message
        return f"{self.message} (位置 {self.position})"


class ParseError(LpmError):
    """文本解析失败，position 为 1 起始的字符位置"""

    code = "parse_error"


class DiagramError(LpmError):
    """端点不一致或支配关系不成立"""

    code = "diagram_error"


class ElementError(LpmError):
    code = "element_error"


class CompositionError(LpmError):
    """蛇形组合不满足 a_1 >= 1, a_i >= 2"""

    code = "composition_error"


class PreconditionError(LpmError):
    code = "precondition_error"


class CapExceededError(LpmError):
    """规模超过配置的上限，调用方应改用分解或闭式公式"""

    code = "cap_exceeded"


class VerificationError(LpmError):
    """恒等式或不等式验证失败"""

    code = "verification_failed"
