"""DQN lighting agent: state encoding, multi-objective reward, prioritized
replay, and the ternary Q-network training loop."""

from .checkpoint import (
    CHECKPOINT_MAGIC,
    CHECKPOINT_VERSION,
    load_checkpoint,
    save_checkpoint,
)
from .dqn import (
    AgentConfig,
    DQNAgent,
    EpisodeMetrics,
    td_target,
    train,
    write_metrics_csv,
)
from .encoding import encode_state, state_dim
from .envs import LightingEnv
from .qnetwork import build_qnetwork
from .replay import PrioritizedReplay, SumTree, Transition
from .reward import OVERRIDE_PENALTY, RewardBreakdown, RewardWeights, compute_reward

__all__ = [
    "CHECKPOINT_MAGIC",
    "CHECKPOINT_VERSION",
    "load_checkpoint",
    "save_checkpoint",
    "AgentConfig",
    "DQNAgent",
    "EpisodeMetrics",
    "td_target",
    "train",
    "write_metrics_csv",
    "encode_state",
    "state_dim",
    "LightingEnv",
    "build_qnetwork",
    "PrioritizedReplay",
    "SumTree",
    "Transition",
    "OVERRIDE_PENALTY",
    "RewardBreakdown",
    "RewardWeights",
    "compute_reward",
]
