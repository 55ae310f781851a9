# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

__version__ = "1.0.0"
