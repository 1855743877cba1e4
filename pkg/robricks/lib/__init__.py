# -*- coding: utf-8 -*-
# @Time    : 2026-10-19 09:40
# @Author  : robricks
# @Desc    : scales, rho families, random streams, small linear algebra
