/**
 * Console wiring. Configuration comes from query parameters:
 *   ?api=http://127.0.0.1:8000      service base URL (default: same origin)
 *   &run=<al-run-id>                run whose progress to chart
 *   &base=<baseline-run-id>         baseline supplying the reference line
 *   &interval=2000                  task poll interval in ms
 */

import { ApiClient, ProgressInfo, RunDoc } from './api.js';
import { Banner } from './banner.js';
import { Poller } from './poll.js';
import { ProgressPanel } from './progress.js';
import { TaskBoard } from './tasks.js';

function required(id: string): HTMLElement {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing #${id} in index.html`);
  return element;
}

export function start(): void {
  const params = new URLSearchParams(window.location.search);
  const apiBase = params.get('api') ?? '';
  const runId = params.get('run');
  const baselineId = params.get('base');
  const intervalMs = Number(params.get('interval') ?? '2000');

  const client = new ApiClient(apiBase);
  const banner = new Banner(required('banner'));
  const board = new TaskBoard(required('tasks'), client, () => {
    void taskPoller.refresh();
    void progressPoller?.refresh();
  });
  const panel = new ProgressPanel(required('progress'));

  const taskPoller = new Poller({
    intervalMs,
    fetch: () => client.getTasks(),
    onData: (tasks) => board.render(tasks),
    onError: (_error, failures, nextDelayMs) =>
      banner.showOutage(failures, nextDelayMs),
    onRecover: () => banner.clear(),
  });
  taskPoller.start();

  let progressPoller: Poller<{
    progress: ProgressInfo;
    run: RunDoc;
    baseline: number | null;
  }> | null = null;

  if (runId) {
    progressPoller = new Poller({
      intervalMs: Math.max(intervalMs, 2000),
      fetch: async () => {
        const [progress, run] = await Promise.all([
          client.getProgress(runId),
          client.getRun(runId),
        ]);
        let baseline: number | null = null;
        if (baselineId) {
          const baseRun = await client.getRun(baselineId);
          baseline = baseRun.cycles[0]?.accuracy ?? null;
        }
        return { progress, run, baseline };
      },
      onData: ({ progress, run, baseline }) =>
        panel.update(progress, run, baseline),
      onError: (_error, failures, nextDelayMs) =>
        banner.showOutage(failures, nextDelayMs),
      onRecover: () => banner.clear(),
    });
    progressPoller.start();
  } else {
    panel.update(null, null, null);
  }
}

start();
