/** Connection banner shown while polling fails. */

export class Banner {
  constructor(private element: HTMLElement) {
    this.element.hidden = true;
  }

  showOutage(failures: number, nextDelayMs: number): void {
    const seconds = Math.round(nextDelayMs / 1000);
    this.element.textContent =
      `Service unreachable (${failures} failed ${failures === 1 ? 'attempt' : 'attempts'}); ` +
      `retrying in ${seconds}s`;
    this.element.hidden = false;
  }

  clear(): void {
    this.element.hidden = true;
    this.element.textContent = '';
  }
}
