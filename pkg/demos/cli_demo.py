# -*- coding: utf-8 -*-
# @Time    : 2026-10-23 10:00
# @Author  : robricks
# @Desc    : the command line, driven from python
from robricks.client.manage import run_command

"""

等价于在终端执行:

robricks simulate --scenario fig7 --seed 7 --out out/line.csv
robricks fit --method mm --efficiency 0.85 --in out/line.csv --y y --out out/mm.json
...

每个产物旁边都有一个 .meta.json, 里面记录了完整的命令和 seed

"""
if __name__ == "__main__":
    for cmd in [
        "simulate --scenario fig7 --seed 7 --out out/line.csv",
        "fit --method mm --efficiency 0.85 --in out/line.csv --y y --out out/mm.json",
        "predict --model out/mm.json --in out/line.csv --out out/predictions.csv",
        "bootstrap --method mm --in out/line.csv --y y -a m=200 --threads 4 --out out/bootstrap.csv",
        "diagnose --method lts --in out/line.csv --y y -a curve=breakdown -a trials=5 --out out/breakdown.csv",
        "outliers --method mcd-reweighted --in out/line.csv --y y --out out/outliers.csv",
    ]:
        code = run_command(cmd)
        print(f"[{code}] robricks {cmd}")
