"""
Lazy imports. Heavy modules (numpy, pandas, structlog) load on first use, so
`baththerm --help` and the pure-Python J routes start fast.
"""

from functools import cached_property

__all__ = [
    'auto',
]

class AutoImport:
    @cached_property
    def importlib(self):
        import importlib
        return importlib


    @cached_property
    def pd(self):
        return self.pandas

    @cached_property
    def pandas(self):
        import pandas
        return pandas


    @cached_property
    def np(self):
        return self.numpy

    @cached_property
    def numpy(self):
        import numpy
        return numpy


    @cached_property
    def tomli(self):
        import tomli
        return tomli

    @cached_property
    def structlog(self):
        import structlog
        return structlog

    @cached_property
    def futures(self):
        import concurrent.futures
        return concurrent.futures


    def __getattr__(auto, name: str):
        return auto.importlib.import_module(name)


auto = AutoImport()
