from .artifact import KINDS, Builder, ReductionArtifact, Role
from .basic import geography_to_uir4, stack2_to_stack1, undirect_to_direct
from .dif import tqbf_to_dif
from .dpf import tqbf_to_dpf
from .upf import thirteen_cycle, tqbf_to_upf
from .upr import tqbf_to_upr

__all__ = [
    "KINDS",
    "Builder",
    "ReductionArtifact",
    "Role",
    "geography_to_uir4",
    "stack2_to_stack1",
    "undirect_to_direct",
    "tqbf_to_dif",
    "tqbf_to_dpf",
    "tqbf_to_upf",
    "tqbf_to_upr",
    "thirteen_cycle",
]
