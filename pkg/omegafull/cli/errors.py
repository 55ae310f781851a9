# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.


class FormatError(ValueError):
    """Malformed artifact; `path` points at the offending element."""

    def __init__(self, path: str, message: str):
        super().__init__(f"at {path}: {message}")
        self.path = path
