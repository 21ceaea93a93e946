"""
命令行工具模块

提供批处理命令，逐阶段或一次性执行效率分析流水线。
"""
