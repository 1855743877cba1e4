# -*- coding: utf-8 -*-
# @Time    : 2026-10-21 14:30
# @Author  : robricks
# @Desc    : 管理工具
import dataclasses
import shlex
import sys
from typing import Callable, List, Union

import numpy as np
from loguru import logger

import robricks
from robricks.client import COMMANDS, Argv
from robricks.client.runner import Runner
from robricks.core.errors import RobustError, UsageError
from robricks.state import G
from robricks.utils import pandora

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


@pandora.with_metaclass(singleton=True)
class Manager:
    def __init__(self):
        runner = Runner()
        self.adapters = {form: getattr(runner, form) for form in COMMANDS}

    @staticmethod
    def _parse(argvs: list) -> Argv:
        """
        解析参数

        robricks command --in data.csv --y y --method mm --out m.json -a key=value


        :return:
        """

        def _2dict(obj):
            kw = {}
            for item in obj or []:
                key, sep, value = item.partition("=")
                if not sep or not key.strip():
                    raise UsageError(f"expected key=value, got {item!r}", item=item)
                kw[key.strip()] = pandora.guess(value.strip())
            return kw

        parser = Argv.get_parser()
        argv = parser.parse_args(argvs)
        return Argv(
            command=argv.command,
            input=argv.input,
            response=argv.response,
            label=argv.label,
            out=argv.out,
            model=argv.model,
            method=argv.method,
            efficiency=argv.efficiency,
            components=argv.components,
            trim=argv.trim,
            scenario=argv.scenario,
            seed=argv.seed,
            threads=argv.threads,
            delimiter=argv.delimiter,
            args=_2dict(argv.args),
            level=argv.level,
        )

    def run(self, argv: Union[str, List[str]] = None) -> int:
        """
        运行, returns the exit code

        :param argv: command line arguments, sys.argv[1:] when not given
        :return: 0 success, 1 computation failure, 2 usage error
        """
        if argv is None:
            argvs = sys.argv[1:]
        elif isinstance(argv, str):
            argvs = shlex.split(argv)
        else:
            argvs = list(argv)

        try:
            argv = self._parse(argvs)
        except SystemExit as e:
            # argparse: --help exits 0, bad flags exit 2
            return e.code if isinstance(e.code, int) else EXIT_USAGE
        except UsageError as e:
            sys.stderr.write(f"{e}\n")
            return EXIT_USAGE

        saved = dataclasses.replace(G)
        G.update(seed=argv.seed, threads=argv.threads)
        argv.level and robricks.set_level(argv.level)
        logger.info(f"[{argv.command}] seed={G.seed} threads={G.threads}")
        try:
            self.run_adapter(argv)
        except UsageError as e:
            sys.stderr.write(f"{e}\n")
            return EXIT_USAGE
        except (RobustError, np.linalg.LinAlgError, OSError) as e:
            sys.stderr.write(f"{e}\n")
            logger.debug(pandora.get_pretty_stack(e))
            return EXIT_FAILURE
        finally:
            G.update(seed=saved.seed, threads=saved.threads)
            argv.level and robricks.set_level(G.log_level)
        return EXIT_OK

    def register_adapter(self, form: str, action: Callable):
        self.adapters[form] = action

    def run_adapter(self, argv: Argv):
        form: str = argv.command
        if form not in self.adapters:
            raise UsageError(f"form 未注册: {form}", form=form)
        adapter = self.adapters[form]
        return adapter(argv)


def run_command(argv: Union[str, List[str]] = None) -> int:
    return Manager().run(argv)


def main():
    sys.exit(run_command())
