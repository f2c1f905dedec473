# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Signal receivers of the FCIQMC engine."""

import os

from ..proxies import current_logger
from .checkpoint import checkpoint

CHECKPOINT_PATTERN = 'step-{step:010d}.fpqmc'


def write_checkpoint(sender, state=None, directory=None, **kwargs):
    """Write ``state`` into ``directory``, replacing files atomically."""
    if state is None or directory is None:
        return
    os.makedirs(directory, exist_ok=True)
    path = os.path.join(directory, CHECKPOINT_PATTERN.format(step=state.step))
    partial = path + '.part'
    with open(partial, 'wb') as fp:
        fp.write(checkpoint(state))
    os.replace(partial, path)
    current_logger.info('Checkpoint written to %s.', path)


def latest_checkpoint(directory: str):
    """Path of the newest checkpoint in ``directory`` or ``None``."""
    if not os.path.isdir(directory):
        return None
    names = sorted(n for n in os.listdir(directory) if n.endswith('.fpqmc'))
    return os.path.join(directory, names[-1]) if names else None
