"""
基准评测自定义异常模块。

定义异常类层级，各业务模块抛出特定类型的错误，
命令行与工具层按类型决定退出码或错误码。
"""


class BenchmarkError(Exception):
    """基准评测基础异常类。"""
    pass


class DescriptorLengthError(BenchmarkError):
    """描述子位宽不一致或字节长度与位宽不符。"""
    pass


class EmptySetError(BenchmarkError):
    """匹配时查询集或训练集为空。"""
    pass


class ParameterError(BenchmarkError):
    """参数超出定义域。"""
    pass


class FormatError(BenchmarkError):
    """PGM、BDSC、CSV 或单应矩阵文本格式错误。"""
    pass


class GeometryError(BenchmarkError):
    """几何计算异常的基类。"""
    pass


class InsufficientPointsError(GeometryError):
    """对应点数量不足以估计单应矩阵。"""
    pass


class DegenerateGeometryError(GeometryError):
    """点配置退化（共线、秩亏）或矩阵不可逆。"""
    pass


class PointAtInfinityError(GeometryError):
    """投影的齐次分量接近零。"""
    pass


class EstimationFailedError(GeometryError):
    """RANSAC 没有找到内点数不少于 4 的假设。"""
    pass


class DegenerateOverlapError(BenchmarkError):
    """变换后重叠区域过小，残差评分无意义。"""
    pass


class ShapeError(BenchmarkError):
    """统计输入的形状不合法。"""
    pass


class DegenerateVarianceError(BenchmarkError):
    """方差分析的误差均方为零。"""
    pass


class ReportError(BenchmarkError):
    """评分数据不足以生成报告。"""
    pass


class ConfigurationError(BenchmarkError):
    """配置相关的异常。"""
    pass
