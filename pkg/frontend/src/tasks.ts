/**
 * Pending-task board.
 *
 * Cards render in task id order; review text is forced right-to-left via
 * explicit dir attributes (the service's corpora are Arabic regardless of
 * the annotator's browser locale). The first card is the active one:
 * number keys 1..C submit the corresponding label for it, so every task
 * resolves with one click or one keystroke.
 */

import { ApiClient, ApiError, TaskView } from './api.js';

export class TaskBoard {
  private byId = new Map<string, HTMLElement>();

  constructor(
    private container: HTMLElement,
    private client: ApiClient,
    /** Fired after the service accepts or rejects-as-stale a label. */
    private onResolved: (taskId: string) => void = () => {},
  ) {
    document.addEventListener('keydown', (event) => this.onKey(event));
  }

  render(tasks: TaskView[]): void {
    const ordered = [...tasks].sort((a, b) =>
      a.task_id < b.task_id ? -1 : a.task_id > b.task_id ? 1 : 0,
    );
    const keep = new Set(ordered.map((t) => t.task_id));
    for (const [taskId, card] of this.byId) {
      if (!keep.has(taskId)) {
        card.remove();
        this.byId.delete(taskId);
      }
    }
    for (const task of ordered) {
      if (!this.byId.has(task.task_id)) {
        const card = this.buildCard(task);
        this.byId.set(task.task_id, card);
      }
    }
    // reattach in sorted order
    for (const task of ordered) {
      this.container.appendChild(this.byId.get(task.task_id)!);
    }
    this.markActive();
    this.container.classList.toggle('empty', ordered.length === 0);
  }

  get pendingCount(): number {
    return this.byId.size;
  }

  private buildCard(task: TaskView): HTMLElement {
    const card = document.createElement('article');
    card.className = 'task-card';
    card.dataset.taskId = task.task_id;

    const text = document.createElement('p');
    text.className = 'task-text';
    text.dir = 'rtl';
    text.lang = 'ar';
    text.textContent = task.text;
    card.appendChild(text);

    const buttons = document.createElement('div');
    buttons.className = 'label-buttons';
    buttons.dir = 'ltr';
    task.label_set.forEach((label, index) => {
      const button = document.createElement('button');
      button.type = 'button';
      button.dataset.label = label;
      button.textContent = `${index + 1}. ${label}`;
      button.addEventListener('click', () => {
        void this.submit(task.task_id, label);
      });
      buttons.appendChild(button);
    });
    card.appendChild(buttons);

    const notice = document.createElement('p');
    notice.className = 'notice';
    notice.hidden = true;
    card.appendChild(notice);
    return card;
  }

  private markActive(): void {
    let found = false;
    for (const card of this.byId.values()) {
      const take = !found && !card.classList.contains('stale');
      card.classList.toggle('active', take);
      if (take) found = true;
    }
  }

  private activeCard(): HTMLElement | null {
    return this.container.querySelector('.task-card.active');
  }

  private onKey(event: KeyboardEvent): void {
    const index = Number.parseInt(event.key, 10);
    if (!Number.isInteger(index) || index < 1) return;
    const card = this.activeCard();
    if (!card) return;
    const buttons = card.querySelectorAll<HTMLButtonElement>('button[data-label]');
    const button = buttons[index - 1];
    if (button) button.click();
  }

  async submit(taskId: string, label: string): Promise<void> {
    const card = this.byId.get(taskId);
    try {
      await this.client.submitLabel(taskId, label);
      this.drop(taskId);
      this.onResolved(taskId);
    } catch (error) {
      if (error instanceof ApiError && error.status === 404) {
        // lost a race with another annotator; the task is gone server-side,
        // so the notice stays readable until the next poll drops the card
        this.notice(card, 'already labeled');
        if (card) {
          card.classList.add('stale');
          for (const b of card.querySelectorAll('button')) b.disabled = true;
        }
        this.markActive();
        this.onResolved(taskId);
      } else if (error instanceof ApiError && error.status === 422) {
        this.notice(card, `rejected: ${error.detail}`);
      } else {
        this.notice(card, 'submit failed, will retry on next poll');
      }
    }
  }

  private notice(card: HTMLElement | undefined, message: string): void {
    if (!card) return;
    const notice = card.querySelector<HTMLElement>('.notice');
    if (notice) {
      notice.textContent = message;
      notice.hidden = false;
    }
  }

  private drop(taskId: string): void {
    this.byId.get(taskId)?.remove();
    this.byId.delete(taskId);
    this.markActive();
  }
}
