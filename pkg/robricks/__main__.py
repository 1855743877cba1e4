# -*- coding: utf-8 -*-
# @Time    : 2026-10-21 14:52
# @Author  : robricks
# @Desc    : python -m robricks
from robricks.client.manage import main

if __name__ == "__main__":
    main()
