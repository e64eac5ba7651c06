"""Exceptions raised by structure construction, loading and the command line."""


class KFoldError(Exception):
    exit_code = 2


class UnknownMorphism(KFoldError):
    pass


class UnknownObject(KFoldError):
    pass


class NonComposable(KFoldError):
    pass


class MalformedTable(KFoldError):
    pass


class MalformedMap(KFoldError):
    pass


class ArityMismatch(KFoldError):
    pass


class IndexOutOfRange(KFoldError):
    pass


class NotSymmetric(KFoldError):
    pass


class StructureMismatch(KFoldError):
    pass


class DanglingHom(KFoldError):
    pass


class NotComposable(KFoldError):
    pass


class BaseMismatch(KFoldError):
    exit_code = 3


class CheckFailure(KFoldError):
    exit_code = 1


class ParseError(KFoldError):

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ''
        if path is not None:
            where = f'{path}:{line}: ' if line is not None else f'{path}: '
        super().__init__(where + message)
