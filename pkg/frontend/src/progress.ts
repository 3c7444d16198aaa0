/**
 * Run progress: counters plus an accuracy-vs-labels line chart with the
 * baseline accuracy as a horizontal reference. All plotted values come
 * straight from the run record and progress endpoints; the only math
 * here is pixel mapping.
 */

import { CyclePoint, ProgressInfo, RunDoc } from './api.js';

const WIDTH = 420;
const HEIGHT = 220;
const PAD = 34;

function formatAccuracy(value: number | null): string {
  return value === null ? 'n/a' : value.toFixed(4);
}

export class ProgressPanel {
  private counters: HTMLElement;
  private chart: HTMLElement;

  constructor(private container: HTMLElement) {
    this.counters = document.createElement('dl');
    this.counters.className = 'counters';
    this.chart = document.createElement('div');
    this.chart.className = 'chart';
    container.appendChild(this.counters);
    container.appendChild(this.chart);
  }

  update(
    progress: ProgressInfo | null,
    run: RunDoc | null,
    baselineAccuracy: number | null,
  ): void {
    this.renderCounters(progress);
    const cycles = run ? run.cycles : [];
    this.renderChart(cycles, baselineAccuracy);
  }

  private renderCounters(progress: ProgressInfo | null): void {
    this.counters.innerHTML = '';
    if (!progress) return;
    const rows: Array<[string, string]> = [
      ['run', progress.run_id],
      ['cycle', String(progress.cycle)],
      ['labels used', String(progress.label_count)],
      ['last accuracy', formatAccuracy(progress.last_accuracy)],
      ['pending tasks', String(progress.pending_tasks)],
    ];
    if (progress.chosen_cycle !== null) {
      rows.push(['matched baseline at cycle', String(progress.chosen_cycle)]);
    }
    for (const [label, value] of rows) {
      const dt = document.createElement('dt');
      dt.textContent = label;
      const dd = document.createElement('dd');
      dd.textContent = value;
      this.counters.appendChild(dt);
      this.counters.appendChild(dd);
    }
  }

  private renderChart(
    cycles: CyclePoint[],
    baselineAccuracy: number | null,
  ): void {
    this.chart.innerHTML = '';
    if (cycles.length === 0 && baselineAccuracy === null) {
      const empty = document.createElement('p');
      empty.className = 'chart-empty';
      empty.textContent = 'no cycles recorded yet';
      this.chart.appendChild(empty);
      return;
    }

    const svgNs = 'http://www.w3.org/2000/svg';
    const svg = document.createElementNS(svgNs, 'svg');
    svg.setAttribute('viewBox', `0 0 ${WIDTH} ${HEIGHT}`);
    svg.setAttribute('width', String(WIDTH));
    svg.setAttribute('height', String(HEIGHT));
    svg.setAttribute('role', 'img');

    const xMax = Math.max(1, ...cycles.map((c) => c.label_count));
    const x = (labels: number) => PAD + (labels / xMax) * (WIDTH - 2 * PAD);
    const y = (accuracy: number) =>
      HEIGHT - PAD - accuracy * (HEIGHT - 2 * PAD);

    const axes = document.createElementNS(svgNs, 'path');
    axes.setAttribute(
      'd',
      `M ${PAD} ${PAD} L ${PAD} ${HEIGHT - PAD} L ${WIDTH - PAD} ${HEIGHT - PAD}`,
    );
    axes.setAttribute('class', 'axes');
    axes.setAttribute('fill', 'none');
    axes.setAttribute('stroke', '#888');
    svg.appendChild(axes);

    if (baselineAccuracy !== null) {
      const reference = document.createElementNS(svgNs, 'line');
      reference.setAttribute('class', 'baseline-reference');
      reference.setAttribute('x1', String(PAD));
      reference.setAttribute('x2', String(WIDTH - PAD));
      reference.setAttribute('y1', String(y(baselineAccuracy)));
      reference.setAttribute('y2', String(y(baselineAccuracy)));
      reference.setAttribute('stroke', '#b33');
      reference.setAttribute('stroke-dasharray', '6 4');
      reference.dataset.accuracy = String(baselineAccuracy);
      svg.appendChild(reference);
    }

    if (cycles.length > 0) {
      const line = document.createElementNS(svgNs, 'polyline');
      line.setAttribute('class', 'accuracy-series');
      line.setAttribute('fill', 'none');
      line.setAttribute('stroke', '#2563eb');
      line.setAttribute(
        'points',
        cycles.map((c) => `${x(c.label_count)},${y(c.accuracy)}`).join(' '),
      );
      svg.appendChild(line);

      for (const point of cycles) {
        const dot = document.createElementNS(svgNs, 'circle');
        dot.setAttribute('class', 'cycle-point');
        dot.setAttribute('cx', String(x(point.label_count)));
        dot.setAttribute('cy', String(y(point.accuracy)));
        dot.setAttribute('r', '3.5');
        dot.dataset.cycle = String(point.cycle);
        dot.dataset.labelCount = String(point.label_count);
        dot.dataset.accuracy = String(point.accuracy);
        const title = document.createElementNS(svgNs, 'title');
        title.textContent =
          `cycle ${point.cycle}: accuracy ${point.accuracy} ` +
          `at ${point.label_count} labels`;
        dot.appendChild(title);
        svg.appendChild(dot);
      }
    }

    this.chart.appendChild(svg);
  }
}
