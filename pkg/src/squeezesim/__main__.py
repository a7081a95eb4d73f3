# SPDX-FileCopyrightText: 2025 Rose Davidson <rose@metaclassical.com>
# SPDX-License-Identifier: MIT
if __name__ == "__main__":
    from squeezesim.cli import app

    app()
