# -*- coding: utf-8 -*-
#
# Copyright (C) 2025 The Polaron FCIQMC developers.
#
# Polaron FCIQMC is free software; you can redistribute it and/or modify it
# under the terms of the MIT License; see LICENSE file for more details.
"""JSON Schemas of the Polaron FCIQMC outputs."""

import json
import os

_CUR_DIR = os.path.dirname(__file__)

with open(os.path.join(_CUR_DIR, 'summary.json'), 'r') as fp:
    SUMMARY_SCHEMA = json.load(fp)
