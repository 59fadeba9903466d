#!/usr/bin/env python3
"""
Plain-text matplotlib scripts that plot a run's CSV files.

Nothing here imports matplotlib; the scripts are written out for the user
to run wherever plotting is available.
"""

import os
from typing import Optional

_HEADER = '''#!/usr/bin/env python3
# Plot script for the {experiment} run (T = {T:g}).
# Reads the CSV files written next to this script.

import os.path

import matplotlib.pyplot as plt
import pandas as pd

HERE = os.path.dirname(os.path.abspath(__file__))

plt.rcParams['font.size'] = 9
plt.rcParams['font.family'] = 'serif'
plt.rcParams['figure.figsize'] = [6.0, 3.7]

'''

_PROFILE_BODY = '''data = pd.read_csv(os.path.join(HERE, '{result}'))

fig, ax = plt.subplots()
ax.plot(data['x'], data['u_exact'], 'k-', linewidth=1.0, label='exact')
ax.plot(data['x'], data['u_num'], 'o', markersize=2.5, label='numerical')
{direct_block}ax.set_xlabel('x')
ax.set_ylabel('u')
ax.set_title('{experiment}, t = {T:g}')
ax.legend(loc='best', frameon=False)
fig.tight_layout()
fig.savefig(os.path.join(HERE, '{stem}.pdf'))
'''

_DIRECT_BLOCK = '''direct = pd.read_csv(os.path.join(HERE, '{direct}'))
ax.plot(direct['x'], direct['u_num'], '--', linewidth=1.0, label='direct')
'''

_PHASE_BODY = '''data = pd.read_csv(os.path.join(HERE, '{result}'))
xs = sorted(data['x'].unique())
xis = sorted(data['xi'].unique())
shape = (len(xs), len(xis))

fig, axes = plt.subplots(1, 2, sharey=True)
for ax, column, title in zip(axes, ['f_num', 'f_exact'], ['numerical', 'exact']):
    values = data[column].to_numpy().reshape(shape)
    mesh = ax.pcolormesh(xs, xis, values.T, shading='nearest', cmap='viridis')
    ax.set_xlabel('x')
    ax.set_title(title)
axes[0].set_ylabel('xi')
fig.colorbar(mesh, ax=axes)
fig.savefig(os.path.join(HERE, '{stem}.pdf'))
'''


def render_plot_script(
    experiment: str,
    T: float,
    result_csv: str,
    phase_space: bool = False,
    direct_csv: Optional[str] = None,
) -> str:
    """
    Text of a plotting script for one run.

    Args:
        experiment: Experiment name (used in titles)
        T: Final time
        result_csv: File name of the result CSV, relative to the script
        phase_space: True for x,xi,f_num,f_exact tables
        direct_csv: Optional direct-integration CSV overlaid on 1-D plots

    Returns:
        Script source
    """
    stem = os.path.splitext(os.path.basename(result_csv))[0]
    text = _HEADER.format(experiment=experiment, T=T)
    if phase_space:
        return text + _PHASE_BODY.format(result=result_csv, stem=stem)
    direct_block = _DIRECT_BLOCK.format(direct=direct_csv) if direct_csv else ""
    return text + _PROFILE_BODY.format(
        result=result_csv, direct_block=direct_block, experiment=experiment, T=T, stem=stem,
    )


def write_plot_script(path: str, **kwargs) -> str:
    """Render and write the script; returns the path."""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(render_plot_script(**kwargs))
    return path
