from .simulate import register as register_simulate
from .label import register as register_label
from .train import register as register_train
from .classify import register as register_classify
from .select import register as register_select
from .strain import register as register_strain
from .bench import register as register_bench

COMMANDS = [
    register_simulate,
    register_label,
    register_train,
    register_classify,
    register_select,
    register_strain,
    register_bench,
]

__all__ = ["COMMANDS"]
