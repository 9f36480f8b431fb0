"""
Base Construction Class
All orbit constructions inherit from this
"""

from typing import List

from termcolor import colored

from console import say


class BaseConstruction:
    def __init__(self, name: str):
        self.name = name

    def build(self, level: int):
        """
        Build the periodic orbit for one level
        Returns:
            OrbitRecord: exact period, exact squared gap, provenance tag
        """
        raise NotImplementedError("Construction must implement build()")

    def sequence(self, levels: int) -> List:
        """Records for levels 1..levels, logged as they are built"""
        records = []
        for level in range(1, levels + 1):
            record = self.build(level)
            d_sq = "none" if record.d_sq is None else str(record.d_sq)
            say(f"🌀 {self.name} level {level}: T = {record.T}, "
                f"d^2 = {colored(d_sq, 'green')}", "cyan")
            records.append(record)
        return records
