import { SessionClient } from './client.js';
import { WizardUi } from './ui.js';
import { Wizard } from './wizard.js';

const root = document.getElementById('app');
if (!root) throw new Error('missing #app element');

const wizard = new Wizard(new SessionClient(''));
new WizardUi(wizard, root).render();
