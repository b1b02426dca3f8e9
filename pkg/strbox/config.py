# -*- coding: utf-8 -*-
#
#   Copyright EAVISE
#
"""
Configuration
-------------
YAML configuration files and the seed of randomized entry points.

A configuration file has optional ``epsilon``, ``derive``, ``workspace`` and ``seed`` sections:

.. code:: yaml

    epsilon:
      geom_eps: 1.0e-9
      area_rel_eps: 1.0e-6
    derive:
      follows_max_gap: 5
      near_threshold: 20
      segments: true
    workspace:
      box: [-100, -100, 100, 100]
      grid_step: 1
    seed: 42
"""
import logging
import os
from dataclasses import dataclass, field, fields, replace
from typing import Optional
import yaml
from .geometry import DEFAULT_EPS, Epsilon
from .spacetime import DeriveConfig
from .translation import WorkspaceConfig

__all__ = ['Config', 'load_config', 'default_seed']
log = logging.getLogger(__name__)

SEED_VARIABLE = 'STR_SEED'


@dataclass(frozen=True)
class Config:
    """ Bundle of every configuration object.

    Args:
        eps (Epsilon, optional): Tolerances; Default **Epsilon()**
        derive (DeriveConfig, optional): derivation parameters, their ``eps`` is replaced by ``eps``; Default **DeriveConfig()**
        workspace (WorkspaceConfig, optional): translation space; Default **None**, ie. derived from the scene
        seed (int, optional): random seed; Default **None**, ie. :func:`default_seed`
    """

    eps: Epsilon = DEFAULT_EPS
    derive: DeriveConfig = field(default_factory=DeriveConfig)
    workspace: Optional[WorkspaceConfig] = None
    seed: Optional[int] = None

    def __post_init__(self):
        if self.derive.eps != self.eps:
            object.__setattr__(self, 'derive', replace(self.derive, eps=self.eps))

    def override(self, **kwargs):
        """ Copy with the given non-None values replaced.

        ``derive`` keywords (eg. ``near_threshold``) update the derive section,
        the other keywords (``eps``, ``workspace``, ``seed``) replace the whole value.
        """
        derive_keys = {f.name for f in fields(DeriveConfig)}
        derive = {k: v for k, v in kwargs.items() if k in derive_keys and v is not None}
        top = {k: v for k, v in kwargs.items() if k not in derive_keys and v is not None}
        unknown = set(top) - {f.name for f in fields(Config)}
        if unknown:
            raise ValueError(f'Unknown configuration keys {sorted(unknown)}')

        cfg = replace(self, **top)
        if derive:
            cfg = replace(cfg, derive=replace(cfg.derive, **derive))
        return cfg


def _section(cls, data, name, skip=()):
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f'Configuration section {name} should be a mapping')
    allowed = {f.name for f in fields(cls)} - set(skip)
    unknown = set(data) - allowed
    if unknown:
        raise ValueError(f'Unknown keys {sorted(unknown)} in configuration section {name}, expected {sorted(allowed)}')
    return data


def load_config(path=None):
    """ Read a YAML configuration file.

    Args:
        path (str or Path, optional): configuration file; Default **None**, ie. every default

    Returns:
        Config: parsed configuration

    Raises:
        ValueError: unknown sections or keys
    """
    if path is None:
        return Config()

    with open(path, 'r', encoding='utf-8') as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f'Configuration file {path} should contain a mapping')

    unknown = set(data) - {'epsilon', 'derive', 'workspace', 'seed'}
    if unknown:
        raise ValueError(f'Unknown configuration sections {sorted(unknown)}')

    eps = Epsilon(**_section(Epsilon, data.get('epsilon'), 'epsilon'))
    derive = DeriveConfig(**_section(DeriveConfig, data.get('derive'), 'derive', skip=('eps',)))
    workspace = data.get('workspace')
    if workspace is not None:
        workspace = WorkspaceConfig(**_section(WorkspaceConfig, workspace, 'workspace'))
    seed = data.get('seed')
    if seed is not None and (isinstance(seed, bool) or not isinstance(seed, int)):
        raise ValueError(f'Seed should be an integer [{seed!r}]')

    log.debug(f'Loaded configuration {path}')
    return Config(eps, derive, workspace, seed)


def default_seed(fallback=0):
    """ Seed from the ``STR_SEED`` environment variable, or ``fallback`` when it is not set. """
    value = os.environ.get(SEED_VARIABLE)
    if value is None or value.strip() == '':
        return fallback
    try:
        return int(value)
    except ValueError as err:
        raise ValueError(f'{SEED_VARIABLE} should be an integer [{value!r}]') from err
