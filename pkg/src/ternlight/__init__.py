"""Desk-scale ternary-quantized lighting control stack: low-bit kernels, a
seeded smart-home simulator, a DQN agent with prioritized replay, a command
grammar, and an IFTTT-style webhook gateway."""

__version__ = "0.1.0"
