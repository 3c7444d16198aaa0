import { describe, expect, it } from 'vitest';

import { ProgressInfo, RunDoc } from '../src/api.js';
import { ProgressPanel } from '../src/progress.js';

const progress: ProgressInfo = {
  run_id: 'al_human-corpus-lstm-s0-abc',
  kind: 'al_human',
  cycle: 3,
  label_count: 150,
  last_accuracy: 0.8725,
  pending_tasks: 12,
  chosen_cycle: null,
};

const run: RunDoc = {
  run_id: progress.run_id,
  kind: 'al_human',
  cycles: [
    { cycle: 1, label_count: 50, accuracy: 0.71, precision: 0.7, recall: 0.7, f1: 0.7 },
    { cycle: 2, label_count: 100, accuracy: 0.82, precision: 0.8, recall: 0.8, f1: 0.8 },
    { cycle: 3, label_count: 150, accuracy: 0.8725, precision: 0.86, recall: 0.87, f1: 0.86 },
  ],
};

function makePanel() {
  document.body.innerHTML = '<aside id="progress"></aside>';
  return new ProgressPanel(document.getElementById('progress')!);
}

describe('ProgressPanel', () => {
  it('renders counters verbatim from the progress endpoint', () => {
    const panel = makePanel();
    panel.update(progress, run, 0.91);
    const dds = [...document.querySelectorAll('dd')].map((d) => d.textContent);
    expect(dds).toContain('3');
    expect(dds).toContain('150');
    expect(dds).toContain('0.8725');
    expect(dds).toContain('12');
  });

  it('plots one point per cycle with the stored values attached', () => {
    const panel = makePanel();
    panel.update(progress, run, 0.91);
    const points = document.querySelectorAll('.cycle-point');
    expect(points).toHaveLength(3);
    const second = points[1] as SVGCircleElement;
    expect(second.dataset.cycle).toBe('2');
    expect(second.dataset.labelCount).toBe('100');
    expect(second.dataset.accuracy).toBe('0.82');
    expect(document.querySelector('.accuracy-series')).not.toBeNull();
  });

  it('draws the baseline reference as a horizontal line', () => {
    const panel = makePanel();
    panel.update(progress, run, 0.91);
    const reference = document.querySelector('.baseline-reference') as SVGLineElement;
    expect(reference).not.toBeNull();
    expect(reference.dataset.accuracy).toBe('0.91');
    expect(reference.getAttribute('y1')).toBe(reference.getAttribute('y2'));
  });

  it('baseline-only view shows the reference line and no series', () => {
    const panel = makePanel();
    panel.update(progress, { run_id: 'x', kind: 'al_human', cycles: [] }, 0.91);
    expect(document.querySelector('.baseline-reference')).not.toBeNull();
    expect(document.querySelectorAll('.cycle-point')).toHaveLength(0);
    expect(document.querySelector('.accuracy-series')).toBeNull();
  });

  it('reports the chosen cycle once the run matches the baseline', () => {
    const panel = makePanel();
    panel.update({ ...progress, chosen_cycle: 9 }, run, 0.91);
    const dts = [...document.querySelectorAll('dt')].map((d) => d.textContent);
    expect(dts).toContain('matched baseline at cycle');
  });

  it('empty state when nothing is known yet', () => {
    const panel = makePanel();
    panel.update(null, null, null);
    expect(document.querySelector('.chart-empty')!.textContent).toContain('no cycles');
  });
});
