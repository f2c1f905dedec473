# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.

"""Output directory of a run.

Every run writes into its output directory::

    config.echo      resolved configuration, parseable as input
    timeseries.tsv   step, replica, shift, walkers, vacuum_coeff
    summary.json     summary document (see jsonschemas/summary.json)
    checkpoints/     binary checkpoints (step-<step>.fpqmc)

plus figure-ready TSV tables depending on the mode.
"""

import json
import os
from typing import List, Optional, Sequence

import jsonschema

from .jsonschemas import SUMMARY_SCHEMA
from .models import RunConfig
from .proxies import current_logger
from .qmc.models import TIMESERIES_COLUMNS, QmcState
from .schemas.loaders import dump_config
from .schemas.serializers import SummarySchema
from .utils import write_tsv
from .version import __version__

ECHO_FILE = 'config.echo'
TIMESERIES_FILE = 'timeseries.tsv'
SUMMARY_FILE = 'summary.json'
CHECKPOINT_DIR = 'checkpoints'


def checkpoint_dir(run: RunConfig) -> str:
    """Checkpoint directory of ``run``."""
    return os.path.join(run.output_dir, CHECKPOINT_DIR)


def prepare_output_dir(run: RunConfig) -> str:
    """Create the output directory and write the configuration echo."""
    os.makedirs(checkpoint_dir(run), exist_ok=True)
    path = os.path.join(run.output_dir, ECHO_FILE)
    with open(path, 'w', encoding='utf-8') as fp:
        fp.write(dump_config(run))
    return run.output_dir


def write_table(run: RunConfig, name: str, header: Sequence[str],
                rows: List[Sequence], comments: Sequence[str] = ()) -> str:
    """Write a TSV table into the output directory."""
    path = os.path.join(run.output_dir, name)
    write_tsv(path, header, rows, comments)
    return path


def write_timeseries(run: RunConfig, state: Optional[QmcState]) -> str:
    """Write the per-step rows of every replica (header only without a
    state)."""
    data = state.series.data if state is not None else ()
    rows = [(int(r[0]), int(r[1]), r[2], r[3], r[4]) for r in data]
    return write_table(run, TIMESERIES_FILE, TIMESERIES_COLUMNS, rows)


def summary_document(run: RunConfig, **parts) -> dict:
    """Serialize and validate the summary of ``run``."""
    document = dict(version=__version__, mode=run.mode)
    document.update(parts)
    data = SummarySchema().dump(document)
    jsonschema.validate(data, SUMMARY_SCHEMA)
    return data


def write_summary(run: RunConfig, **parts) -> dict:
    """Write ``summary.json``; returns the serialized document."""
    data = summary_document(run, **parts)
    path = os.path.join(run.output_dir, SUMMARY_FILE)
    with open(path, 'w', encoding='utf-8') as fp:
        json.dump(data, fp, indent=2, sort_keys=True, allow_nan=False)
        fp.write('\n')
    current_logger.info('Summary written to %s.', path)
    return data
