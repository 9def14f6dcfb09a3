# -*- coding: utf-8 -*-
import os
import logging
import logging.config

logging.config.fileConfig(
    os.path.join(os.path.dirname(__file__), "logging.cfg"),
    disable_existing_loggers=False,
)
logger = logging.getLogger(__name__)
