"""Base class for immutable value objects: slots, no rebinding, picklable."""


class Frozen:
    __slots__ = ()

    def __setattr__(self, name, value):
        raise AttributeError("%s is immutable" % type(self).__name__)

    def __delattr__(self, name):
        raise AttributeError("%s is immutable" % type(self).__name__)

    @classmethod
    def _all_slots(cls):
        out = []
        for klass in reversed(cls.__mro__):
            out.extend(getattr(klass, "__slots__", ()))
        return out

    def __getstate__(self):
        return tuple(getattr(self, name) for name in self._all_slots())

    def __setstate__(self, state):
        for name, value in zip(self._all_slots(), state):
            object.__setattr__(self, name, value)
