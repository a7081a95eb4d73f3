# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT


class HierarchyWarning(UserWarning):
    pass


class ConservationWarning(UserWarning):
    pass
