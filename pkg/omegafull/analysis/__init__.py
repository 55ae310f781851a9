# This source code is licensed under the MIT License
# found in the LICENSE file in the root directory of this source tree.

from .asymptotics import AsymptoticPoint, asymptotic_point, h, maximize_h, temme_M, temme_x
from .counting import (
    L_formula,
    L_max,
    L_profile,
    growth_ratio,
    growth_report,
    michel_baseline,
    surjection_table,
    surjections,
)
