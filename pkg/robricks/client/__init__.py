# -*- coding: utf-8 -*-
# @Time    : 2026-10-21 13:02
# @Author  : robricks
# @Desc    : command line arguments
import argparse
import dataclasses
import shlex
from typing import Optional

COMMANDS = ("fit", "predict", "cv", "bootstrap", "diagnose", "simulate", "outliers")


@dataclasses.dataclass
class Argv:
    command: str
    input: Optional[str] = None
    response: Optional[str] = None
    label: Optional[str] = None
    out: Optional[str] = None
    model: Optional[str] = None
    method: Optional[str] = None
    efficiency: Optional[float] = None
    components: Optional[str] = None
    trim: Optional[float] = None
    scenario: Optional[str] = None
    seed: Optional[int] = None
    threads: Optional[int] = None
    delimiter: str = ","
    args: dict = dataclasses.field(default_factory=dict)
    level: Optional[str] = None

    def to_cmd(self) -> str:
        """the command line that reproduces this run"""
        cmd = f"robricks {self.command}"
        for key, flag in [
            ("input", "--in"),
            ("response", "--y"),
            ("label", "--label"),
            ("out", "--out"),
            ("model", "--model"),
            ("method", "--method"),
            ("efficiency", "--efficiency"),
            ("components", "--components"),
            ("trim", "--trim"),
            ("scenario", "--scenario"),
            ("seed", "--seed"),
            ("threads", "--threads"),
        ]:
            value = getattr(self, key)
            if value is not None:
                cmd += f" {flag} {shlex.quote(str(value))}"
        if self.delimiter != ",":
            cmd += f" --delimiter {shlex.quote(self.delimiter)}"
        for k, v in self.args.items():
            cmd += f" -a {shlex.quote(f'{k}={v!r}')}"
        return cmd

    def config(self) -> dict:
        """every option of the run, echoed into artifacts"""
        ret = {k: v for k, v in dataclasses.asdict(self).items() if k != "level"}
        ret["cmd"] = self.to_cmd()
        return ret

    @staticmethod
    def get_parser() -> argparse.ArgumentParser:
        parser = argparse.ArgumentParser(prog="robricks", description="robust multivariate statistics")
        parser.add_argument("command", choices=COMMANDS, help="操作名称")
        parser.add_argument("--in", dest="input", help="input csv")
        parser.add_argument("--y", dest="response", help="response column")
        parser.add_argument("--label", help="group label column")
        parser.add_argument("--out", help="output file")
        parser.add_argument("--model", help="model document to predict with")
        parser.add_argument("--method", help="estimator id")
        parser.add_argument("--efficiency", type=float, help="normal efficiency of the MM step")
        parser.add_argument("--components", help="number of components, or a grid such as 1:10")
        parser.add_argument("--trim", type=float, help="trimming fraction")
        parser.add_argument("--scenario", help="simulation scenario")
        parser.add_argument("--seed", type=int, help="seed of every random step")
        parser.add_argument("--threads", type=int, help="worker threads")
        parser.add_argument("--delimiter", default=",", help="csv field separator")
        parser.add_argument("-a", "--args", help="estimator options: key=value", action="append")
        verbosity = parser.add_mutually_exclusive_group()
        verbosity.add_argument("-v", "--verbose", dest="level", action="store_const", const="DEBUG")
        verbosity.add_argument("-q", "--quiet", dest="level", action="store_const", const="WARNING")
        return parser
