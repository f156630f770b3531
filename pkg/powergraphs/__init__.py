"""
Power graphs and directed power graphs of finite groups.

Строит графы степеней конечных групп и восстанавливает ориентацию дуг
по неориентированному графу степеней нильпотентной группы.
"""

__version__ = "0.3.0"
