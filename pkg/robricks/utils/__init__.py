# -*- coding: utf-8 -*-
# @Time    : 2026-10-21 09:00
# @Author  : robricks
# @Desc    :
