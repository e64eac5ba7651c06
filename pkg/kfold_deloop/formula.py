"""Expressions in the tensor operations, used as the source and target of component families."""

from dataclasses import dataclass

import numpy as np

from kfold_deloop.fincat import FinFunctor, power_category


class Formula:

    @property
    def arity(self):
        return max((var.index for var in self.variables()), default=-1) + 1

    def variables(self):
        return []

    def objects(self, ops, columns):
        raise NotImplementedError

    def morphisms(self, ops, columns):
        raise NotImplementedError

    def functor(self, ops, arity=None):
        """
        Compile to a functor from the arity-fold power of the base category.

        :param ops: structure providing ``base``, ``unit_index``, ``tensor_objects``
            and ``tensor_morphisms``
        """
        base = ops.base
        arity = arity or self.arity
        P = power_category(base, arity)
        if P.n_objects:
            object_columns = np.unravel_index(np.arange(P.n_objects), (base.n_objects,) * arity)
        else:
            object_columns = [np.zeros(0, dtype=np.int64)] * arity
        if P.n_morphisms:
            morphism_columns = np.unravel_index(np.arange(P.n_morphisms),
                                                (base.n_morphisms,) * arity)
        else:
            morphism_columns = [np.zeros(0, dtype=np.int64)] * arity
        return FinFunctor(P, base, self.objects(ops, object_columns),
                          self.morphisms(ops, morphism_columns), name=str(self))


@dataclass(frozen=True)
class Var(Formula):
    index: int

    def variables(self):
        return [self]

    def objects(self, ops, columns):
        return np.asarray(columns[self.index])

    def morphisms(self, ops, columns):
        return np.asarray(columns[self.index])

    def __str__(self):
        return 'ABCDEFGH'[self.index] if self.index < 8 else f'x{self.index}'


@dataclass(frozen=True)
class Unit(Formula):

    def objects(self, ops, columns):
        return np.full(len(columns[0]), ops.unit_index, dtype=np.int64)

    def morphisms(self, ops, columns):
        return np.full(len(columns[0]), ops.base.identity[ops.unit_index], dtype=np.int64)

    def __str__(self):
        return 'I'


@dataclass(frozen=True)
class Tensor(Formula):
    i: int
    left: Formula
    right: Formula

    def variables(self):
        return self.left.variables() + self.right.variables()

    def objects(self, ops, columns):
        return ops.tensor_objects(self.i, self.left.objects(ops, columns),
                                  self.right.objects(ops, columns))

    def morphisms(self, ops, columns):
        return ops.tensor_morphisms(self.i, self.left.morphisms(ops, columns),
                                    self.right.morphisms(ops, columns))

    def __str__(self):
        return f'({self.left}*{self.i} {self.right})'


def variables(n):
    return [Var(index) for index in range(n)]


def tensor(i, left, right):
    return Tensor(i, left, right)


def associator_formulas(i):
    """Source (A*B)*C and target A*(B*C) of an associator family."""
    a, b, c = variables(3)
    return tensor(i, tensor(i, a, b), c), tensor(i, a, tensor(i, b, c))


def interchanger_formulas(i, j):
    """Source (A*j B)*i (C*j D) and target (A*i C)*j (B*i D) of an interchanger family."""
    a, b, c, d = variables(4)
    return (tensor(i, tensor(j, a, b), tensor(j, c, d)),
            tensor(j, tensor(i, a, c), tensor(i, b, d)))


def braiding_formulas():
    a, b = variables(2)
    return tensor(1, a, b), tensor(1, b, a)
