# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""FCIQMC signals."""

from blinker import Namespace

_signals = Namespace()


checkpoint_due = _signals.signal('checkpoint-due')
"""Signal sent every ``checkpoint_interval`` steps of a run.

Parameters:
- ``sender`` - the current application, or ``None`` outside of one.
- ``state`` - the :class:`~polaron_fciqmc.qmc.models.QmcState`.
- ``directory`` - the requested checkpoint directory (may be ``None``).

Example receiver:

.. code-block:: python

   def receiver(sender, state=None, directory=None, **kwargs):
       # ...
"""
