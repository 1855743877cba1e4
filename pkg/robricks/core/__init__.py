# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 09:28
# @Author  : robricks
# @Desc    : errors, events and the task dispatcher
